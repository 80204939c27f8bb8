public class CustomerBatch {
    public void fillBatch() {
        final Customer cust1 = new Customer();
        final Customer cust2 = new Customer();
        final Customer cust3 = new Customer();
        register(cust1, cust2, cust3);
    }
}
